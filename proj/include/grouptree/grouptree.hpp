#pragma once

// Umbrella header: decision-tree induction with escalating equal-width
// attribute grouping, plus the classic fixed-binning baseline.

#include "grouptree/dataset.hpp"
#include "grouptree/discretize.hpp"
#include "grouptree/eval.hpp"
#include "grouptree/induction.hpp"
#include "grouptree/measures.hpp"
#include "grouptree/rules.hpp"
#include "grouptree/tree_io.hpp"
