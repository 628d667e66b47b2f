#pragma once

#include "wlpdisc/bounds.hpp"
#include "wlpdisc/core.hpp"
#include "wlpdisc/discrepancy.hpp"
#include "wlpdisc/errors.hpp"
#include "wlpdisc/gauss_legendre.hpp"
#include "wlpdisc/io.hpp"
#include "wlpdisc/parallel.hpp"
#include "wlpdisc/piecewise_poly.hpp"
#include "wlpdisc/pointsets.hpp"
#include "wlpdisc/poly2.hpp"
#include "wlpdisc/random.hpp"
#include "wlpdisc/search.hpp"
#include "wlpdisc/sobolev.hpp"
#include "wlpdisc/verify.hpp"
