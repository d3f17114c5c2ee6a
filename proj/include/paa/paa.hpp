#pragma once

#include "paa/algocost.hpp"
#include "paa/core.hpp"
#include "paa/daa.hpp"
#include "paa/flowlen.hpp"
#include "paa/massstat.hpp"
#include "paa/oracle.hpp"
#include "paa/patstats.hpp"
#include "paa/seedstat.hpp"
#include "paa/textmodel.hpp"
