package com.acme.core;

public class Engine {
    private int f0;
    private int f1;
    private int f2;
    private int f3;
    private int f4;
    private int f5;

    public Engine() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        if (acc > 48) {
            if (acc > 41) {
                acc = acc * 3 - 3;
                acc = acc * 7 - 1;
                acc = acc * 9 - 4;
            }
        }
        for (int i = 0; i < 2; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        if (acc > 49) {
            acc = acc * 5 - 3;
        }
        for (int i = 0; i < 4; i++) {
            acc += i * f1;
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f2;
        if (acc > 48) {
            acc = acc * 7 - 3;
            acc = acc * 8 - 2;
        }
        for (int i = 0; i < 5; i++) {
            acc += i * f2;
        }
        return acc;
    }

    public int run3(int x) {
        int acc = x + f3;
        acc = acc * 2 - 7;
        acc = acc * 4 - 5;
        for (int i = 0; i < 3; i++) {
            acc += i * f3;
        }
        return acc;
    }

    public int run4(int x) {
        int acc = x + f4;
        if (acc > 38) {
            if (acc > 22) {
                acc = acc * 9 - 2;
                acc = acc * 2 - 2;
            }
        }
        return acc;
    }

    public int run5(int x) {
        int acc = x + f5;
        if (acc > 19) {
            acc = acc * 9 - 7;
        }
        return acc;
    }

    public int run6(int x) {
        int acc = x + f0;
        acc = acc * 2 - 1;
        for (int i = 0; i < 2; i++) {
            acc += i * f0;
        }
        return acc;
    }
}
