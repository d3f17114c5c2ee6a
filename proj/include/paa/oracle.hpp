#pragma once

#include "paa/oracle/oracle.hpp"
