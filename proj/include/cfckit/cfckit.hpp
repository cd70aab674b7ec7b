#pragma once

#include "cfc.hpp"
#include "common.hpp"
#include "eigen.hpp"
#include "function.hpp"
#include "laws.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "predicates.hpp"
#include "random.hpp"
#include "scalars.hpp"
#include "spectrum.hpp"
#include "subalgebra.hpp"
#include "unitization.hpp"
