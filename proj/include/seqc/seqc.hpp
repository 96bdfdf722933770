/* Copyright 2026 The seqc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Umbrella header.

#ifndef SEQC_SEQC_HPP
#define SEQC_SEQC_HPP

#include "seqc/ast.hpp"
#include "seqc/error.hpp"
#include "seqc/evaluator.hpp"
#include "seqc/machine.hpp"
#include "seqc/parser.hpp"
#include "seqc/protocol.hpp"
#include "seqc/runtime.hpp"
#include "seqc/stability.hpp"
#include "seqc/user.hpp"

#endif  // SEQC_SEQC_HPP
