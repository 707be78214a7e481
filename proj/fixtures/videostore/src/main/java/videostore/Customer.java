package videostore;

import java.util.ArrayList;
import java.util.List;

public class Customer {
  private String name;
  private List<Rental> rentals = new ArrayList<Rental>();
  private int rentalCount;

  public Customer(String name) {
    this.name = name;
  }

  public void addRental(Rental rental) {
    this.rentals.add(rental);
    this.rentalCount++;
  }

  public String getName() {
    return this.name;
  }

  public int getRentalCount() {
    return this.rentalCount;
  }

  public String statement() {
    double totalAmount = 0.0;
    int frequentRenterPoints = 0;
    String result = "Rental Record for " + getName() + "\n";
    for (Rental each : this.rentals) {
      double thisAmount = each.getMovie().determineAmount(each.getDaysRented());
      frequentRenterPoints = frequentRenterPoints + each.getMovie().determineFrequentRenterPoints(each.getDaysRented());
      result = result + "\t" + each.getMovie().getTitle() + "\t" + thisAmount + "\n";
      totalAmount = totalAmount + thisAmount;
    }
    result = result + "Amount owed is " + totalAmount + "\n";
    result = result + "You earned " + frequentRenterPoints + " frequent renter points";
    return result;
  }

  public int loyaltyCode(int points) {
    if (points < 0) {
      return -points;
    }
    int code = points << 1;
    code = code | 1;
    code = code & 1023;
    return code % 97;
  }
}
