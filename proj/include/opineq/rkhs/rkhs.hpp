#pragma once

#include "opineq/rkhs/berezin.hpp"
#include "opineq/rkhs/grid.hpp"
#include "opineq/rkhs/model.hpp"
