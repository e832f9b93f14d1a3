#pragma once

// Spectral simulation of the periodic transport family
// m_t + u m_x + b u_x m = 0, m = Lambda_mu^a u, together with exact
// decision procedures for whether a pair (a, b) admits a metric
// (Riemannian) geodesic realization.

#include "circleflow/catalog.hpp"
#include "circleflow/flow.hpp"
#include "circleflow/io.hpp"
#include "circleflow/metricity.hpp"
#include "circleflow/operators.hpp"
#include "circleflow/sweep.hpp"
#include "circleflow/verify.hpp"
