#pragma once

#include "paa/core/doubling.hpp"
#include "paa/core/engine.hpp"
#include "paa/core/markov.hpp"
#include "paa/core/paa.hpp"
#include "paa/core/waiting.hpp"
#include "paa/distribution.hpp"
#include "paa/error.hpp"
