#pragma once

#include "adams.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "functor_expr.hpp"
#include "geometry.hpp"
#include "graded_class.hpp"
#include "pipeline.hpp"
#include "rational.hpp"
#include "splitting.hpp"
#include "vandermonde.hpp"
