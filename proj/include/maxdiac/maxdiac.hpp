#ifndef MAXDIAC_MAXDIAC_HPP
#define MAXDIAC_MAXDIAC_HPP

#include "analysis_db.hpp"
#include "context_edits.hpp"
#include "corpus_stats.hpp"
#include "hsb.hpp"
#include "pipeline.hpp"
#include "ranker.hpp"
#include "script.hpp"
#include "tokenizer.hpp"
#include "utf8.hpp"
#include "wellformedness.hpp"

#endif
