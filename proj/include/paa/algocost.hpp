#pragma once

#include "paa/algocost/algocost.hpp"
