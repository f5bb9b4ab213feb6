#pragma once

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/field.hpp"
#include "galg/gen.hpp"
#include "galg/gl.hpp"
#include "galg/graded.hpp"
#include "galg/hermitian.hpp"
#include "galg/isotopism.hpp"
#include "galg/labels.hpp"
#include "galg/linalg.hpp"
#include "galg/oracle.hpp"
#include "galg/poly.hpp"
#include "galg/rings.hpp"
#include "galg/rng.hpp"
#include "galg/units.hpp"

namespace galg {
inline constexpr const char* version = "0.1.0";
}  // namespace galg
