#pragma once

// Everything except the command-line front end (heights/cli.hpp) and the
// description-file loaders (heights/keyfile.hpp), which pull in CLI11 and
// nlohmann/json.

#include "heights/error.hpp"
#include "heights/bigfloat.hpp"
#include "heights/exact.hpp"
#include "heights/polynomial.hpp"
#include "heights/roots.hpp"
#include "heights/measure.hpp"
#include "heights/quad_field.hpp"
#include "heights/surd.hpp"
#include "heights/metric.hpp"
#include "heights/factor_search.hpp"
