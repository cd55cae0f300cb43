#pragma once

#include "framekit/config.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame.hpp"
#include "framekit/fusion.hpp"
#include "framekit/geometry.hpp"
#include "framekit/io.hpp"
#include "framekit/matrix.hpp"
#include "framekit/numerics.hpp"
#include "framekit/partition.hpp"
#include "framekit/random.hpp"
#include "framekit/replacement.hpp"
#include "framekit/riesz.hpp"
#include "framekit/scalar.hpp"
#include "framekit/version.hpp"
