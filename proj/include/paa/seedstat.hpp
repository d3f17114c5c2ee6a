#pragma once

#include "paa/seedstat/seedstat.hpp"
