#pragma once

#include "opineq/range/boundary.hpp"
#include "opineq/range/estimate.hpp"
#include "opineq/range/geometry.hpp"
#include "opineq/range/monte_carlo.hpp"
#include "opineq/range/support.hpp"
