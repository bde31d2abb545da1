package com.acme.service;

import com.acme.util.Dates;

public class UserService {
    private int f0;
    private int f1;
    private ShippingService peer0;
    private Dates peer1;

    public UserService() {
        this.f0 = 1;
    }

    public int run0(int x) {
        int acc = x + f0;
        if (acc > 3) {
            if (acc > 21) {
                acc = acc * 9 - 2;
                acc += peer0.run0(acc);
            }
        }
        for (int i = 0; i < 5; i++) {
            acc += i * f0;
        }
        return acc;
    }

    public int run1(int x) {
        int acc = x + f1;
        if (acc > 35) {
            acc = acc * 6 - 3;
            acc += peer1.run0(acc);
        }
        for (int i = 0; i < 2; i++) {
            acc += i * f1;
        }
        return acc;
    }

    public int run2(int x) {
        int acc = x + f0;
        if (acc > 4) {
            acc = acc * 4 - 7;
        }
        return acc;
    }
}
