#pragma once

#include "lfc/errors.hpp"
#include "lfc/fractional_order.hpp"
#include "lfc/special_functions.hpp"
#include "lfc/fractal_series.hpp"
#include "lfc/root_finding.hpp"
#include "lfc/taylor.hpp"
#include "lfc/numeric_backends.hpp"
