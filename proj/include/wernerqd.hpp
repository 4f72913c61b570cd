#pragma once

#include "wernerqd/errors.hpp"
#include "wernerqd/linalg.hpp"
#include "wernerqd/scaled_value.hpp"
#include "wernerqd/structured_spectrum.hpp"
#include "wernerqd/werner.hpp"
#include "wernerqd/discord.hpp"
#include "wernerqd/negativity.hpp"
#include "wernerqd/sweep.hpp"
