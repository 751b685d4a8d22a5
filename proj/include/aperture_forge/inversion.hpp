#pragma once

#include "core.hpp"
#include "inversion/phase_retrieval.hpp"
#include "inversion/problem.hpp"
#include "inversion/ptychography.hpp"
