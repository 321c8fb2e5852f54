#pragma once

#include "cramer/charts.hpp"
#include "cramer/errors.hpp"
#include "cramer/export.hpp"
#include "cramer/group.hpp"
#include "cramer/matrix.hpp"
#include "cramer/ogr.hpp"
#include "cramer/point.hpp"
#include "cramer/poly.hpp"
#include "cramer/rational.hpp"
#include "cramer/report.hpp"
#include "cramer/rng.hpp"
#include "cramer/variables.hpp"
#include "cramer/variety.hpp"
#include "cramer/verify.hpp"
#include "cramer/weights.hpp"
