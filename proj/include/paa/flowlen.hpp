#pragma once

#include "paa/flowlen/flowlen.hpp"
