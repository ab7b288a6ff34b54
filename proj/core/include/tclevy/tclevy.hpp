#pragma once

#include "tclevy/csv.hpp"
#include "tclevy/error.hpp"
#include "tclevy/experiment.hpp"
#include "tclevy/levy_measure.hpp"
#include "tclevy/linalg.hpp"
#include "tclevy/log.hpp"
#include "tclevy/newton.hpp"
#include "tclevy/noise.hpp"
#include "tclevy/random_stream.hpp"
#include "tclevy/samplers.hpp"
#include "tclevy/sde_problem.hpp"
#include "tclevy/theta_solver.hpp"
#include "tclevy/time_change.hpp"
