#pragma once

#include "prarg/argset.hpp"
#include "prarg/errors.hpp"
#include "prarg/graph.hpp"
#include "prarg/semantics.hpp"
#include "prarg/prag.hpp"
#include "prarg/pw.hpp"
#include "prarg/csub.hpp"
#include "prarg/io.hpp"
#include "prarg/bench.hpp"
