#pragma once

#include "division.hpp"
#include "digits.hpp"
#include "error.hpp"
#include "expansion.hpp"
#include "quadratic.hpp"
#include "render.hpp"
#include "valuation.hpp"
