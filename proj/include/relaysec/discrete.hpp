#pragma once

#include "relaysec/discrete/channel.hpp"
#include "relaysec/discrete/joint.hpp"
#include "relaysec/discrete/simplex.hpp"
#include "relaysec/discrete/rates.hpp"
