#pragma once

#include "gjl/calculus.hpp"
#include "gjl/canonical.hpp"
#include "gjl/decide.hpp"
#include "gjl/fitting.hpp"
#include "gjl/goedel.hpp"
#include "gjl/mkrtychev.hpp"
#include "gjl/model_io.hpp"
#include "gjl/parse.hpp"
#include "gjl/syntax.hpp"
#include "gjl/value.hpp"
