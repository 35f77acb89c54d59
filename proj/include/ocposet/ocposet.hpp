#pragma once

#include "assign_types.hpp"
#include "classifier.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "forcing.hpp"
#include "interval.hpp"
#include "json_io.hpp"
#include "poset.hpp"
#include "recognizer.hpp"
#include "representation.hpp"
