#pragma once

#include "greenlem/error.hpp"
#include "greenlem/polynomial.hpp"
#include "greenlem/projective.hpp"
#include "greenlem/random.hpp"
#include "greenlem/parallel.hpp"
#include "greenlem/green.hpp"
#include "greenlem/measure.hpp"
#include "greenlem/verify.hpp"
#include "greenlem/render.hpp"
#include "greenlem/io.hpp"
