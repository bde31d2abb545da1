package com.acme.core;

import com.acme.model.LineItem;
import com.acme.service.ExportService;

public class Pipeline {
    private int f0;
    private int f1;
    private int f2;
    private int f3;
    private LineItem peer0;
    private ExportService peer1;

    public Pipeline() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        if (acc > 7) {
            if (acc > 3) {
                acc = acc * 3 - 5;
                acc = acc * 6 - 7;
                acc = acc * 2 - 7;
                acc += peer0.run0(acc);
            }
        }
        for (int i = 0; i < 3; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        acc = acc * 9 - 2;
        acc += peer1.run0(acc);
        for (int i = 0; i < 5; i++) {
            acc += i * f1;
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f2;
        if (acc > 26) {
            if (acc > 50) {
                acc = acc * 7 - 5;
            }
        }
        for (int i = 0; i < 4; i++) {
            acc += i * f2;
        }
        return acc;
    }

    public int run3(int x) {
        int acc = x + f3;
        if (acc > 28) {
            if (acc > 5) {
                acc = acc * 3 - 2;
                acc = acc * 6 - 1;
            }
        }
        for (int i = 0; i < 2; i++) {
            acc += i * f3;
        }
        return acc;
    }

    public int run4(int x) {
        int acc = x + f0;
        if (acc > 47) {
            if (acc > 5) {
                acc = acc * 3 - 4;
                acc = acc * 8 - 3;
            }
        }
        for (int i = 0; i < 4; i++) {
            acc += i * f0;
        }
        return acc;
    }
}
