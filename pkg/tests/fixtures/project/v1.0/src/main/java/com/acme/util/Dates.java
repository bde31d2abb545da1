package com.acme.util;

public class Dates {
    private int f0;
    private int f1;
    private int f2;
    private int f3;
    private int f4;
    private int f5;
    private int f6;

    public Dates() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        if (acc > 31) {
            if (acc > 5) {
                acc = acc * 6 - 7;
                acc = acc * 8 - 7;
                acc = acc * 3 - 2;
            }
        }
        for (int i = 0; i < 3; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        if (acc > 34) {
            if (acc > 49) {
                acc = acc * 8 - 6;
                acc = acc * 7 - 1;
                acc = acc * 3 - 4;
            }
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f2;
        if (acc > 33) {
            acc = acc * 6 - 5;
        }
        return acc;
    }

    public int run3(int x) {
        int acc = x + f3;
        acc = acc * 2 - 5;
        for (int i = 0; i < 4; i++) {
            acc += i * f3;
        }
        return acc;
    }

    public int run4(int x) {
        int acc = x + f4;
        acc = acc * 4 - 2;
        acc = acc * 9 - 4;
        acc = acc * 9 - 1;
        for (int i = 0; i < 2; i++) {
            acc += i * f4;
        }
        return acc;
    }

    public int run5(int x) {
        int acc = x + f5;
        if (acc > 41) {
            if (acc > 13) {
                acc = acc * 7 - 7;
                acc = acc * 5 - 3;
            }
        }
        return acc;
    }

    public int run6(int x) {
        int acc = x + f6;
        if (acc > 45) {
            acc = acc * 9 - 1;
        }
        for (int i = 0; i < 3; i++) {
            acc += i * f6;
        }
        return acc;
    }

    public int run7(int x) {
        int acc = x + f0;
        acc = acc * 4 - 6;
        for (int i = 0; i < 5; i++) {
            acc += i * f0;
        }
        return acc;
    }
}
