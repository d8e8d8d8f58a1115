#ifndef SYMPROD_SYMPROD_HPP
#define SYMPROD_SYMPROD_HPP

#include "symprod/error.hpp"
#include "symprod/types.hpp"
#include "symprod/geometry.hpp"
#include "symprod/quadrature.hpp"
#include "symprod/regression.hpp"
#include "symprod/roots.hpp"
#include "symprod/catalog.hpp"
#include "symprod/cauchy.hpp"
#include "symprod/divdiff.hpp"
#include "symprod/symmetric.hpp"
#include "symprod/parallel.hpp"
#include "symprod/holder.hpp"
#include "symprod/propermap.hpp"

namespace symprod {
inline constexpr const char *version = "0.1.0";
}

#endif // SYMPROD_SYMPROD_HPP
