#pragma once

#include "tnormcat/rational.hpp"
#include "tnormcat/tnorm.hpp"
#include "tnormcat/conditions.hpp"
#include "tnormcat/category.hpp"
#include "tnormcat/exponential.hpp"
#include "tnormcat/ccc.hpp"
#include "tnormcat/completeness.hpp"
