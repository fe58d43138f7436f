// Umbrella header.
#pragma once

#include "epi/generate.hpp"
#include "epi/model.hpp"
#include "epi/operators.hpp"
#include "epi/parse.hpp"
#include "epi/properties.hpp"
#include "epi/render.hpp"
#include "epi/rng.hpp"
#include "epi/trace.hpp"
