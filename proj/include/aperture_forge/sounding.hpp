#pragma once

#include "core.hpp"
#include "sounding/beamforming.hpp"
#include "sounding/channel.hpp"
#include "sounding/fib.hpp"
#include "sounding/frequency_grid.hpp"
#include "sounding/lattice.hpp"
#include "sounding/padp.hpp"
#include "sounding/sparse_lattice.hpp"
#include "sounding/sweep_io.hpp"
