#pragma once

#include "opineq/harness/instances.hpp"
#include "opineq/harness/registry.hpp"
#include "opineq/harness/report.hpp"
