#pragma once

#include "paa/patstats/patstats.hpp"
