#pragma once

#include "fatmod/cache.hpp"
#include "fatmod/canonical.hpp"
#include "fatmod/catalan.hpp"
#include "fatmod/census.hpp"
#include "fatmod/errors.hpp"
#include "fatmod/expansion.hpp"
#include "fatmod/fatgraph.hpp"
#include "fatmod/hyperelliptic.hpp"
#include "fatmod/integrals.hpp"
#include "fatmod/kontsevich.hpp"
#include "fatmod/rational.hpp"
#include "fatmod/trees.hpp"
