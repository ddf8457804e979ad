#pragma once

// Umbrella header.

#include "biframe/algebra.hpp"
#include "biframe/constructions.hpp"
#include "biframe/frames.hpp"
#include "biframe/hmodule.hpp"
#include "biframe/random_systems.hpp"
#include "biframe/sequences.hpp"
#include "biframe/serialization.hpp"
#include "biframe/tolerance.hpp"
