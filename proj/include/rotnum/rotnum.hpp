#pragma once

#include "rotnum/base.hpp"
#include "rotnum/circlemap.hpp"
#include "rotnum/error.hpp"
#include "rotnum/grid.hpp"
#include "rotnum/io.hpp"
#include "rotnum/lift.hpp"
#include "rotnum/log.hpp"
#include "rotnum/modulus.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/random.hpp"
#include "rotnum/schrodinger.hpp"
#include "rotnum/sl2.hpp"
