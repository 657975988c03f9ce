/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Null dereference on one branch. */
int nondet_int(void);

int main(void) {
  int value = 7;
  int *p = nondet_int() ? &value : 0;
  return *p;
}
