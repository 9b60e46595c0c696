#pragma once

#include "tropde/errors.hpp"
#include "tropde/ext_nat.hpp"
#include "tropde/generator.hpp"
#include "tropde/linear.hpp"
#include "tropde/nonlinear.hpp"
#include "tropde/oracle.hpp"
#include "tropde/sat.hpp"
#include "tropde/solve.hpp"
#include "tropde/support.hpp"
#include "tropde/text_format.hpp"
#include "tropde/univar.hpp"
