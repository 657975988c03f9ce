/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Lossy conversion: a wide value is narrowed to a signed char. */
int nondet_int(void);

int main(void) {
  int wide = nondet_int();
  signed char narrow = (signed char)wide;
  return narrow;
}
