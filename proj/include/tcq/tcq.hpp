#pragma once

#include "tcq/correlations.hpp"
#include "tcq/dynamics.hpp"
#include "tcq/error.hpp"
#include "tcq/families.hpp"
#include "tcq/features.hpp"
#include "tcq/qmatrix.hpp"
#include "tcq/reduction.hpp"
#include "tcq/roots.hpp"
#include "tcq/sweep.hpp"
#include "tcq/trajectory.hpp"
