// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header for the epb library: classical second-order coherence
// models of coincidence experiments (Clauser-Aspect, four-photon GHZ,
// Franson, Ghosh-Mandel, Brendel) with a stochastic photodetection layer.

#pragma once

#include "correlator.hpp"
#include "detector.hpp"
#include "experiments.hpp"
#include "fields.hpp"
#include "network.hpp"
#include "sources.hpp"
