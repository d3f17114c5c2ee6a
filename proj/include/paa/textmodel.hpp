#pragma once

#include "paa/textmodel/hmm.hpp"
#include "paa/textmodel/text_model.hpp"
