package videostore;

public class NewReleaseMovie extends Movie {
  public NewReleaseMovie(String title) {
    super(title);
  }

  public double determineAmount(int daysRented) {
    return daysRented * 3.0;
  }

  public int determineFrequentRenterPoints(int daysRented) {
    if (daysRented > 1 && daysRented < 365) {
      return 2;
    }
    return 1;
  }
}
