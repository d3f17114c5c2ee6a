#pragma once

#include "paa/daa/aho_corasick.hpp"
#include "paa/daa/counting_dfa.hpp"
#include "paa/daa/daa.hpp"
#include "paa/daa/nfa.hpp"
#include "paa/daa/pattern.hpp"
#include "paa/daa/prosite.hpp"
