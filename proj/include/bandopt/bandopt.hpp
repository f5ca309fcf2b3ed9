#pragma once

// Adaptive Monte Carlo optimization: best-arm identification over expensive
// means with cheap unbiased samples, plus the applications built on it.

#include "bandopt/config.hpp"
#include "bandopt/confidence.hpp"
#include "bandopt/dendrogram.hpp"
#include "bandopt/dense.hpp"
#include "bandopt/engine.hpp"
#include "bandopt/hierarchical.hpp"
#include "bandopt/io.hpp"
#include "bandopt/ledger.hpp"
#include "bandopt/mmi.hpp"
#include "bandopt/mmi_estimator.hpp"
#include "bandopt/neighbors.hpp"
#include "bandopt/oracle.hpp"
#include "bandopt/rng.hpp"
#include "bandopt/running_estimate.hpp"
#include "bandopt/sparse.hpp"
#include "bandopt/synthetic.hpp"
#include "bandopt/welford_arms.hpp"
