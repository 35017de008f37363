#pragma once

#include "pivotlex/baselines.hpp"
#include "pivotlex/candidate.hpp"
#include "pivotlex/cnf.hpp"
#include "pivotlex/error.hpp"
#include "pivotlex/evaluation.hpp"
#include "pivotlex/graph.hpp"
#include "pivotlex/heuristics.hpp"
#include "pivotlex/lexicon_io.hpp"
#include "pivotlex/parallel.hpp"
#include "pivotlex/pipeline.hpp"
#include "pivotlex/polysemy.hpp"
#include "pivotlex/transgraph.hpp"
#include "pivotlex/unicode.hpp"
#include "pivotlex/wpmaxsat.hpp"
