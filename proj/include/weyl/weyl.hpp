#pragma once

// Umbrella header.

#include "weyl/dual.hpp"
#include "weyl/element.hpp"
#include "weyl/equivalence.hpp"
#include "weyl/error.hpp"
#include "weyl/expr.hpp"
#include "weyl/gamma.hpp"
#include "weyl/linalg.hpp"
#include "weyl/numberfield.hpp"
#include "weyl/random_gen.hpp"
#include "weyl/rational.hpp"
#include "weyl/sigfile.hpp"
#include "weyl/sigma.hpp"
#include "weyl/signature.hpp"
#include "weyl/structure.hpp"
