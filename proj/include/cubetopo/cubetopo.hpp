#pragma once

#include "cubetopo/bits.hpp"
#include "cubetopo/constructions.hpp"
#include "cubetopo/cubical.hpp"
#include "cubetopo/error.hpp"
#include "cubetopo/formula.hpp"
#include "cubetopo/homology.hpp"
#include "cubetopo/integer_matrix.hpp"
#include "cubetopo/json.hpp"
#include "cubetopo/relations.hpp"
#include "cubetopo/simplicial.hpp"
#include "cubetopo/solution_space.hpp"
#include "cubetopo/verify.hpp"
