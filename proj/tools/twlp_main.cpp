// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

int main() { return 0; }
