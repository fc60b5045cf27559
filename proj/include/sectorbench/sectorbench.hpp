#pragma once

#include "sectorbench/abelian_group.hpp"
#include "sectorbench/constrained.hpp"
#include "sectorbench/constraint_engine.hpp"
#include "sectorbench/errors.hpp"
#include "sectorbench/fixtures.hpp"
#include "sectorbench/hilbert_system.hpp"
#include "sectorbench/json_io.hpp"
#include "sectorbench/matrix.hpp"
#include "sectorbench/report.hpp"
#include "sectorbench/scenario.hpp"
#include "sectorbench/star_algebra.hpp"
#include "sectorbench/subspace.hpp"
#include "sectorbench/toy_model.hpp"
#include "sectorbench/workbench.hpp"
