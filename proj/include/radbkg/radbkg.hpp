#pragma once

// Natural-radiation background rates in superconducting-device substrates:
// analytic summary-rate model plus a simplified two-stage Monte Carlo
// (slab emission/shielding transport, re-aiming variance reduction,
// substrate energy deposition).

#include "radbkg/analysis.hpp"
#include "radbkg/config.hpp"
#include "radbkg/cosmic.hpp"
#include "radbkg/decay_chains.hpp"
#include "radbkg/deposition.hpp"
#include "radbkg/environment.hpp"
#include "radbkg/landau.hpp"
#include "radbkg/materials.hpp"
#include "radbkg/phase_space.hpp"
#include "radbkg/pipeline.hpp"
#include "radbkg/rate_model.hpp"
#include "radbkg/reaiming.hpp"
#include "radbkg/transport.hpp"
