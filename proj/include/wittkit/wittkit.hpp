#pragma once

#include "wittkit/automorphism.hpp"
#include "wittkit/derivation.hpp"
#include "wittkit/element_format.hpp"
#include "wittkit/errors.hpp"
#include "wittkit/families.hpp"
#include "wittkit/rational.hpp"
#include "wittkit/series.hpp"
#include "wittkit/series_parser.hpp"
#include "wittkit/structure.hpp"
#include "wittkit/text.hpp"
#include "wittkit/vector_field.hpp"
