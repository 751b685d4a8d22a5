#pragma once

#include "core.hpp"
#include "sas/cbf.hpp"
#include "sas/geometry.hpp"
#include "sas/lasso.hpp"
#include "sas/model.hpp"
#include "sas/resolution.hpp"
