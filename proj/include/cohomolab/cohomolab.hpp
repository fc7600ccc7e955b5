#pragma once

#include "rational.hpp"
#include "poly.hpp"
#include "linear_system.hpp"
#include "symbol_calculus.hpp"
#include "diff_operator.hpp"
#include "equivariance_solver.hpp"
#include "cocycle_lab.hpp"
#include "quantization.hpp"
#include "properties.hpp"
#include "report.hpp"
