#pragma once

// Umbrella header: quantum limits of spoofing detection with coherent and
// squeezed-state signal encodings.

#include "coherent.hpp"
#include "fock.hpp"
#include "gaussian.hpp"
#include "helstrom.hpp"
#include "io.hpp"
#include "optimizer.hpp"
#include "restricted.hpp"
