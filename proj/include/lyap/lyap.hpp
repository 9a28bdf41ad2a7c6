#pragma once

#include "lyap/concavity.hpp"
#include "lyap/errors.hpp"
#include "lyap/linear_map.hpp"
#include "lyap/nonlinear.hpp"
#include "lyap/pressure_model.hpp"
#include "lyap/roots.hpp"
#include "lyap/thermo.hpp"
#include "lyap/two_branch.hpp"
