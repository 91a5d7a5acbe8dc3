#pragma once

#include "csrc/bench.hpp"
#include "csrc/coloring.hpp"
#include "csrc/cost_model.hpp"
#include "csrc/csr.hpp"
#include "csrc/csrc_matrix.hpp"
#include "csrc/generate.hpp"
#include "csrc/kernels.hpp"
#include "csrc/matrix_market.hpp"
#include "csrc/parallel.hpp"
#include "csrc/partition.hpp"
#include "csrc/symmetry.hpp"
#include "csrc/working_set.hpp"
