package com.acme.service;

import com.acme.util.Hashes;

public class ReportService {
    private int f0;
    private int f1;
    private int f2;
    private int f3;
    private Hashes peer0;

    public ReportService() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        acc = acc * 6 - 1;
        acc = acc * 5 - 5;
        acc = acc * 6 - 4;
        acc += peer0.run0(acc);
        for (int i = 0; i < 4; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        if (acc > 47) {
            acc = acc * 7 - 2;
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f2;
        if (acc > 37) {
            acc = acc * 4 - 5;
            acc = acc * 2 - 6;
        }
        for (int i = 0; i < 5; i++) {
            acc += i * f2;
        }
        return acc;
    }

    public int run3(int x) {
        int acc = x + f3;
        acc = acc * 5 - 4;
        return acc;
    }

    public int run4(int x) {
        int acc = x + f0;
        if (acc > 33) {
            acc = acc * 3 - 2;
        }
        for (int i = 0; i < 4; i++) {
            acc += i * f0;
        }
        return acc;
    }
}
