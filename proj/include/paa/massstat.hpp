#pragma once

#include "paa/massstat/massstat.hpp"
