#pragma once

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/poly.hpp"
#include "pfaffcubic/parse.hpp"
#include "pfaffcubic/skew.hpp"
#include "pfaffcubic/grassmann.hpp"
#include "pfaffcubic/pentahedron.hpp"
#include "pfaffcubic/random.hpp"
#include "pfaffcubic/explicit.hpp"
#include "pfaffcubic/fivesecant.hpp"
#include "pfaffcubic/linesnormal.hpp"
#include "pfaffcubic/reference_data.hpp"
