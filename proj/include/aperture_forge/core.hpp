#pragma once

#include "core/constants.hpp"
#include "core/direction.hpp"
#include "core/fft.hpp"
#include "core/grid.hpp"
#include "core/measure.hpp"
#include "core/random.hpp"
#include "core/spectrum.hpp"
#include "core/wave.hpp"
