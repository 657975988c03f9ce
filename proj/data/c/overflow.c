/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Signed overflow: the sum of two positive inputs can exceed INT_MAX. */
int nondet_int(void);

int main(void) {
  int a = nondet_int();
  int b = nondet_int();
  if (a > 0 && b > 0)
    return a + b;
  return 0;
}
