// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rydberg/analysis.hpp"
#include "rydberg/autocorr.hpp"
#include "rydberg/circular.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/spectrum.hpp"
#include "rydberg/superrevival.hpp"
#include "rydberg/units.hpp"
