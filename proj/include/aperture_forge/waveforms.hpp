#pragma once

#include "core.hpp"
#include "waveforms/adc.hpp"
#include "waveforms/ambiguity.hpp"
#include "waveforms/bfsk.hpp"
#include "waveforms/iq.hpp"
#include "waveforms/lfm.hpp"
#include "waveforms/matched_filter.hpp"
#include "waveforms/pulse_shape.hpp"
#include "waveforms/rmmse.hpp"
