#pragma once

#include "core.hpp"
#include "sar/backprojection.hpp"
#include "sar/capon.hpp"
#include "sar/chirp_scaling.hpp"
#include "sar/image.hpp"
#include "sar/omega_k.hpp"
#include "sar/phase_history.hpp"
#include "sar/qsar.hpp"
#include "sar/resolution.hpp"
#include "sar/speckle.hpp"
#include "sar/tomography.hpp"
