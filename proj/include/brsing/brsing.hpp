#pragma once

#include "derlog.hpp"
#include "invariants.hpp"
#include "lowerable.hpp"
#include "matrix.hpp"
#include "parser.hpp"
#include "poly.hpp"
#include "problem.hpp"
#include "report.hpp"
#include "ring.hpp"
#include "sections.hpp"
#include "singular_out.hpp"
#include "submodule.hpp"
#include "vecpoly.hpp"
