#pragma once

#include "bistab/criterion.hpp"
#include "bistab/errors.hpp"
#include "bistab/gfunction.hpp"
#include "bistab/network.hpp"
#include "bistab/parser.hpp"
#include "bistab/polynomial.hpp"
#include "bistab/stoich.hpp"
#include "bistab/verifier.hpp"
#include "bistab/witness.hpp"
