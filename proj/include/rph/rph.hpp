#pragma once

#include "rph/binomial.hpp"
#include "rph/certificate.hpp"
#include "rph/errors.hpp"
#include "rph/gale.hpp"
#include "rph/integer_matrix.hpp"
#include "rph/lattice.hpp"
#include "rph/mixed_cells.hpp"
#include "rph/pipeline.hpp"
#include "rph/tracker.hpp"
