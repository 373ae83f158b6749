#pragma once

// Umbrella header.

#include "entnet/canonical/fourier.hpp"
#include "entnet/canonical/generator.hpp"
#include "entnet/canonical/perturbed.hpp"
#include "entnet/hjnet/config.hpp"
#include "entnet/hjnet/dynamics.hpp"
#include "entnet/hjnet/state.hpp"
#include "entnet/hjnet/wavefunction.hpp"
#include "entnet/qboltz/density_matrix.hpp"
#include "entnet/qboltz/evolution.hpp"
#include "entnet/witness/two_qubit.hpp"
#include "entnet/witness/witnesses.hpp"
