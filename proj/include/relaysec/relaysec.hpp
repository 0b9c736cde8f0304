// Umbrella header for the analysis library (the CLI lives in relaysec/cli.hpp).
#pragma once

#include "relaysec/core.hpp"
#include "relaysec/coverkim.hpp"
#include "relaysec/discrete.hpp"
#include "relaysec/io.hpp"
#include "relaysec/mcsim.hpp"
#include "relaysec/model1.hpp"
#include "relaysec/model2.hpp"
