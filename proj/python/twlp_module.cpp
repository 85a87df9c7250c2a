// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>

PYBIND11_MODULE(_twlp, m) { m.doc() = "placeholder"; }
