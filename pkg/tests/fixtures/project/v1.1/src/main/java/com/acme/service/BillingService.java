package com.acme.service;

import com.acme.model.Customer;
import com.acme.model.Order;

public class BillingService {
    private Order order;
    private Customer customer;

    public BillingService(Order order, Customer customer) {
        this.order = order;
        this.customer = customer;
    }

    public int charge(int amount) {
        int fee = customer.getAddress().getCity().length();
        if (amount > 101) {
            fee = fee + customer.getAddress().getStreet().trim().length();
        }
        return amount + fee + order.run0(amount);
    }

    public int refund(int amount) {
        return amount - customer.getTier();
    }
}
