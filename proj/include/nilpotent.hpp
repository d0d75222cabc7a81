#pragma once

#include "nilpotent/anosov.hpp"
#include "nilpotent/automorphism.hpp"
#include "nilpotent/example_tower.hpp"
#include "nilpotent/fixtures.hpp"
#include "nilpotent/grading.hpp"
#include "nilpotent/hall_basis.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/matrix.hpp"
#include "nilpotent/number_field.hpp"
#include "nilpotent/polynomial.hpp"
#include "nilpotent/rational.hpp"
#include "nilpotent/roots.hpp"
#include "nilpotent/sparse.hpp"
#include "nilpotent/subspace.hpp"
