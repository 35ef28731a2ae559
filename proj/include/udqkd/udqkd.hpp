#pragma once

#include "udqkd/errors.hpp"
#include "udqkd/gaussian/cov_matrix.hpp"
#include "udqkd/gaussian/entropy.hpp"
#include "udqkd/gaussian/homodyne.hpp"
#include "udqkd/gaussian/physicality.hpp"
#include "udqkd/protocol/asymptotic.hpp"
#include "udqkd/protocol/params.hpp"
#include "udqkd/protocol/security.hpp"
#include "udqkd/protocol/states.hpp"
#include "udqkd/sweeps/frontier.hpp"
#include "udqkd/sweeps/io.hpp"
#include "udqkd/sweeps/parallel.hpp"
#include "udqkd/sweeps/region.hpp"
#include "udqkd/sweeps/types.hpp"
#include "udqkd/version.hpp"
