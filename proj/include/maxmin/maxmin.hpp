#pragma once

#include "maxmin/adversary.hpp"
#include "maxmin/auction.hpp"
#include "maxmin/constants.hpp"
#include "maxmin/distribution.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/extensions.hpp"
#include "maxmin/functional.hpp"
#include "maxmin/isotonic.hpp"
#include "maxmin/lp.hpp"
#include "maxmin/quadrature.hpp"
#include "maxmin/random.hpp"
#include "maxmin/upper_bound.hpp"
