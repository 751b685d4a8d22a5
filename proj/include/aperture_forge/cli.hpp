#pragma once

#include "cli/artifacts.hpp"
#include "cli/config.hpp"
#include "cli/context.hpp"
#include "cli/report.hpp"
#include "cli/run.hpp"
