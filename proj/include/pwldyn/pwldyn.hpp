#pragma once

#include "pwldyn/bounds.hpp"
#include "pwldyn/covering.hpp"
#include "pwldyn/dynamics.hpp"
#include "pwldyn/io.hpp"
#include "pwldyn/maps.hpp"
#include "pwldyn/pwl.hpp"
#include "pwldyn/rational.hpp"
#include "pwldyn/relu.hpp"
