package com.acme.service;

import com.acme.core.Cache;

public class NotificationService {
    private int f0;
    private int f1;
    private int f2;
    private int f3;
    private int f4;
    private int f5;
    private Cache peer0;

    public NotificationService() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        if (acc > 30) {
            acc = acc * 7 - 4;
            acc = acc * 8 - 6;
            acc += peer0.run0(acc);
        }
        for (int i = 0; i < 3; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        if (acc > 16) {
            if (acc > 18) {
                acc = acc * 2 - 7;
            }
        }
        for (int i = 0; i < 5; i++) {
            acc += i * f1;
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f2;
        if (acc > 50) {
            acc = acc * 2 - 3;
            acc = acc * 9 - 5;
        }
        for (int i = 0; i < 5; i++) {
            acc += i * f2;
        }
        return acc;
    }

    public int run3(int x) {
        int acc = x + f3;
        acc = acc * 3 - 1;
        for (int i = 0; i < 3; i++) {
            acc += i * f3;
        }
        return acc;
    }

    public int run4(int x) {
        int acc = x + f4;
        if (acc > 4) {
            acc = acc * 3 - 2;
            acc = acc * 8 - 4;
            acc = acc * 8 - 3;
        }
        return acc;
    }

    public int run5(int x) {
        int acc = x + f5;
        acc = acc * 5 - 4;
        acc = acc * 6 - 3;
        acc = acc * 3 - 5;
        return acc;
    }

    public int run6(int x) {
        int acc = x + f0;
        if (acc > 44) {
            if (acc > 9) {
                acc = acc * 4 - 2;
            }
        }
        return acc;
    }
}
