#pragma once

#include "approx.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "number_theory.hpp"
#include "pell.hpp"
#include "rational.hpp"
#include "real_oracle.hpp"
#include "siegel.hpp"
#include "witness.hpp"
#include "zeta.hpp"
