#pragma once

#include "core.hpp"
#include "radiometry/brightness.hpp"
#include "radiometry/mrla.hpp"
#include "radiometry/visibility.hpp"
