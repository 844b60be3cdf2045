#pragma once

#include "subseq/alternation.hpp"
#include "subseq/automaton.hpp"
#include "subseq/io.hpp"
#include "subseq/ops.hpp"
#include "subseq/oracle.hpp"
#include "subseq/patterns.hpp"
#include "subseq/report.hpp"
#include "subseq/subword.hpp"
