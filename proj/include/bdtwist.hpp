#pragma once

#include "bdtwist/error.hpp"
#include "bdtwist/scalar.hpp"
#include "bdtwist/linalg.hpp"
#include "bdtwist/rootdata.hpp"
#include "bdtwist/bdstruct.hpp"
#include "bdtwist/borel.hpp"
#include "bdtwist/qfa.hpp"
#include "bdtwist/twist.hpp"
#include "bdtwist/io.hpp"
