#pragma once

#include "staraut/chu.hpp"
#include "staraut/cohomology.hpp"
#include "staraut/error.hpp"
#include "staraut/exact/rational_matrix.hpp"
#include "staraut/exact/root_of_unity.hpp"
#include "staraut/exact/zmod_solver.hpp"
#include "staraut/groups.hpp"
#include "staraut/gvect.hpp"
#include "staraut/prof.hpp"
#include "staraut/qforms.hpp"
#include "staraut/ribbon.hpp"
#include "staraut/serialize.hpp"
