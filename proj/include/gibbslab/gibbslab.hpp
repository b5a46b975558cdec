#pragma once

#include "gibbslab/bounds.hpp"
#include "gibbslab/empirical.hpp"
#include "gibbslab/errors.hpp"
#include "gibbslab/exp_law.hpp"
#include "gibbslab/expectation_gap.hpp"
#include "gibbslab/experiment.hpp"
#include "gibbslab/gibbs_model.hpp"
#include "gibbslab/hitting.hpp"
#include "gibbslab/oscillation.hpp"
#include "gibbslab/potential.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/schedule.hpp"
#include "gibbslab/serialize.hpp"
#include "gibbslab/shift_space.hpp"
#include "gibbslab/stats.hpp"
