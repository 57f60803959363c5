#pragma once

#include "algocap/capacity.hpp"
#include "algocap/channels.hpp"
#include "algocap/entropy.hpp"
#include "algocap/error.hpp"
#include "algocap/invariants.hpp"
#include "algocap/linalg.hpp"
#include "algocap/random.hpp"
#include "algocap/serialization.hpp"
#include "algocap/states.hpp"
