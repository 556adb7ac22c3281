// Copyright 2026 the endoq authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENDOQ_ENDOQ_HPP
#define ENDOQ_ENDOQ_HPP

#include <endoq/checks.hpp>
#include <endoq/coalition.hpp>
#include <endoq/game_table.hpp>
#include <endoq/games.hpp>
#include <endoq/io.hpp>
#include <endoq/problem.hpp>
#include <endoq/rational.hpp>
#include <endoq/scheduling.hpp>
#include <endoq/solutions.hpp>
#include <endoq/verify_paper.hpp>

#endif // ENDOQ_ENDOQ_HPP
