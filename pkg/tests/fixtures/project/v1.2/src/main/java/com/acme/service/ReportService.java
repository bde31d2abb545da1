package com.acme.service;

public class ReportService {
    private int f0;
    private int f1;
    private int f2;
    private int f3;

    public ReportService() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        acc = acc * 4 - 5;
        acc = acc * 5 - 6;
        for (int i = 0; i < 2; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        if (acc > 28) {
            if (acc > 37) {
                acc = acc * 5 - 7;
                acc = acc * 7 - 1;
                acc = acc * 9 - 4;
            }
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f2;
        if (acc > 34) {
            if (acc > 4) {
                acc = acc * 5 - 1;
                acc = acc * 5 - 4;
            }
        }
        for (int i = 0; i < 4; i++) {
            acc += i * f2;
        }
        return acc;
    }

    public int run3(int x) {
        int acc = x + f3;
        if (acc > 10) {
            if (acc > 48) {
                acc = acc * 2 - 5;
                acc = acc * 4 - 6;
                acc = acc * 9 - 5;
            }
        }
        return acc;
    }

    public int run4(int x) {
        int acc = x + f0;
        if (acc > 7) {
            if (acc > 19) {
                acc = acc * 7 - 6;
            }
        }
        for (int i = 0; i < 2; i++) {
            acc += i * f0;
        }
        return acc;
    }
}
