#pragma once

// Umbrella header: finite measured group actions, the algebra of weighted
// composition operators b = sum_g a_g T_g over them, exact and certified
// operator-norm machinery on the weighted l^p scale, and the structural
// theorem checkers.

#include "normlab/character.hpp"
#include "normlab/element.hpp"
#include "normlab/errors.hpp"
#include "normlab/formulas.hpp"
#include "normlab/group.hpp"
#include "normlab/pnorm.hpp"
#include "normlab/rational.hpp"
#include "normlab/realization.hpp"
#include "normlab/reconstruct.hpp"
#include "normlab/rng.hpp"
#include "normlab/scenario.hpp"
#include "normlab/space.hpp"
#include "normlab/suite.hpp"
#include "normlab/types.hpp"
#include "normlab/verify.hpp"
