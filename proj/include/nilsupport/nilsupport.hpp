#pragma once

#include "nilsupport/error.hpp"
#include "nilsupport/field.hpp"
#include "nilsupport/ring.hpp"
#include "nilsupport/matrix.hpp"
#include "nilsupport/linalg.hpp"
#include "nilsupport/polymatrix.hpp"
#include "nilsupport/liealg.hpp"
#include "nilsupport/module_expr.hpp"
#include "nilsupport/evaluate.hpp"
#include "nilsupport/repcore.hpp"
#include "nilsupport/oneparam.hpp"
#include "nilsupport/support.hpp"
#include "nilsupport/dsl.hpp"
#include "nilsupport/verify.hpp"
#include "nilsupport/io.hpp"
